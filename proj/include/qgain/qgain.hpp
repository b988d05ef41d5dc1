// qgain.hpp
// Umbrella header.

#pragma once

#include "bounds.hpp"
#include "channels.hpp"
#include "decomposition.hpp"
#include "error.hpp"
#include "io.hpp"
#include "linalg.hpp"
#include "random.hpp"
#include "states.hpp"
