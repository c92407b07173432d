#pragma once

// Umbrella header for the heatfis library: fuzzy heat-index modeling with
// Wang-Mendel rule learning, zero-order Sugeno inference, and a linear
// regression baseline.

#include "heatfis/dataset.hpp"
#include "heatfis/evaluation.hpp"
#include "heatfis/fuzzy.hpp"
#include "heatfis/heat_index.hpp"
#include "heatfis/inference.hpp"
#include "heatfis/model_io.hpp"
#include "heatfis/random.hpp"
#include "heatfis/rules.hpp"
#include "heatfis/synth.hpp"
