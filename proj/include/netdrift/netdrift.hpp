#pragma once

// Weighted link prediction for evolving networks: similarity indices,
// spatial-temporal position drift, and a seeded evaluation harness.

#include "netdrift/distances.hpp"
#include "netdrift/drift.hpp"
#include "netdrift/edge_list.hpp"
#include "netdrift/errors.hpp"
#include "netdrift/experiment.hpp"
#include "netdrift/graph.hpp"
#include "netdrift/metrics.hpp"
#include "netdrift/parallel.hpp"
#include "netdrift/rng.hpp"
#include "netdrift/similarity.hpp"
#include "netdrift/split.hpp"
#include "netdrift/stats.hpp"
#include "netdrift/synthetic.hpp"
#include "netdrift/walks.hpp"
