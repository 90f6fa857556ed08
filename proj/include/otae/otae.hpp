#pragma once

// Umbrella header for the over-the-air estimation library.

#include "otae/bounds.hpp"
#include "otae/channel.hpp"
#include "otae/config.hpp"
#include "otae/model.hpp"
#include "otae/monte_carlo.hpp"
#include "otae/report.hpp"
#include "otae/rng.hpp"
#include "otae/runner.hpp"
#include "otae/scheme.hpp"
