#pragma once

// Umbrella header for the PLaCy causal-discovery core.

#include "placy/bench.hpp"
#include "placy/discovery.hpp"
#include "placy/error.hpp"
#include "placy/granger.hpp"
#include "placy/io.hpp"
#include "placy/metrics.hpp"
#include "placy/numerics.hpp"
#include "placy/parallel.hpp"
#include "placy/rng.hpp"
#include "placy/spectral.hpp"
#include "placy/synth.hpp"
#include "placy/types.hpp"
