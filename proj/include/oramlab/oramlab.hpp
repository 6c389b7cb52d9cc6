#pragma once

#include "oramlab/codec.hpp"
#include "oramlab/core.hpp"
#include "oramlab/distance.hpp"
#include "oramlab/distinguisher.hpp"
#include "oramlab/engines.hpp"
#include "oramlab/error.hpp"
#include "oramlab/graph.hpp"
#include "oramlab/parallel.hpp"
#include "oramlab/partition.hpp"
#include "oramlab/rational.hpp"
#include "oramlab/report.hpp"
#include "oramlab/server.hpp"
#include "oramlab/trace_file.hpp"
#include "oramlab/workload.hpp"
