#pragma once

#include "catstate/fock_core.hpp"
#include "catstate/hermite.hpp"
#include "catstate/states.hpp"
#include "catstate/dynamics.hpp"
#include "catstate/observables.hpp"
#include "catstate/scenario.hpp"
#include "catstate/runner.hpp"
#include "catstate/version.hpp"
