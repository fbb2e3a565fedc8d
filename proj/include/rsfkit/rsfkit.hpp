#pragma once
// Umbrella header for the whole library.

#include "rsfkit/bogoliubov.hpp"
#include "rsfkit/common.hpp"
#include "rsfkit/dynamics.hpp"
#include "rsfkit/entanglement.hpp"
#include "rsfkit/entropy.hpp"
#include "rsfkit/io.hpp"
#include "rsfkit/reduced_field.hpp"
#include "rsfkit/scenarios.hpp"
#include "rsfkit/symplectic.hpp"
