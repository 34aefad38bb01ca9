#ifndef FINITETRAP_FINITETRAP_HPP
#define FINITETRAP_FINITETRAP_HPP

// Umbrella header: a single trapped ion in a finite-range (tanh^2) trap,
// modeled as an f-deformed oscillator, its bichromatically driven steady
// state, and the phase-space observables of that state.

#include "finitetrap/coupling.hpp"
#include "finitetrap/errors.hpp"
#include "finitetrap/io.hpp"
#include "finitetrap/kahan.hpp"
#include "finitetrap/laguerre.hpp"
#include "finitetrap/matrix.hpp"
#include "finitetrap/observables.hpp"
#include "finitetrap/operators.hpp"
#include "finitetrap/parallel.hpp"
#include "finitetrap/steady_state.hpp"
#include "finitetrap/trap.hpp"
#include "finitetrap/vibronic.hpp"

#endif  // FINITETRAP_FINITETRAP_HPP
