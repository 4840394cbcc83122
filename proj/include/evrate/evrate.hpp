#pragma once

#include "evrate/numerics.hpp"
#include "evrate/distributions.hpp"
#include "evrate/bounds.hpp"
#include "evrate/metrics.hpp"
#include "evrate/montecarlo.hpp"
