// Umbrella header.
#pragma once

#include "engine.hpp"
#include "experiment.hpp"
#include "hamiltonian.hpp"
#include "optimize.hpp"
#include "oracle.hpp"
#include "qubo.hpp"
#include "rng.hpp"
#include "statevector.hpp"
#include "version.hpp"
