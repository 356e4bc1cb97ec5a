#pragma once

// Umbrella header for the whole library.

#include "smallworld/baselines.hpp"
#include "smallworld/cooccur.hpp"
#include "smallworld/csv.hpp"
#include "smallworld/graph.hpp"
#include "smallworld/ingest.hpp"
#include "smallworld/louvain.hpp"
#include "smallworld/metrics.hpp"
#include "smallworld/pipeline.hpp"
#include "smallworld/rng.hpp"
#include "smallworld/version.hpp"
