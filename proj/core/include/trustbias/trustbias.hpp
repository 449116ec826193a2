#pragma once

#include "trustbias/baselines.hpp"
#include "trustbias/bias_functions.hpp"
#include "trustbias/errors.hpp"
#include "trustbias/experiments.hpp"
#include "trustbias/metrics.hpp"
#include "trustbias/solver.hpp"
#include "trustbias/trust_graph.hpp"
