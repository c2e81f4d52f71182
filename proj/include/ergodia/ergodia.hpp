#pragma once

#include "approximation.hpp"
#include "integrability.hpp"
#include "invariants.hpp"
#include "matching.hpp"
#include "means.hpp"
#include "metric_space.hpp"
#include "model_systems.hpp"
#include "observable.hpp"
#include "orbit_sums.hpp"
#include "parallel.hpp"
#include "permutation.hpp"
#include "random.hpp"
#include "rational.hpp"
#include "stabilization.hpp"
#include "summation.hpp"
#include "surgery.hpp"
#include "synthesis.hpp"
