#pragma once

#include "qgini/errors.hpp"
#include "qgini/qsystem.hpp"
#include "qgini/sampling.hpp"
#include "qgini/lorenz.hpp"
#include "qgini/gini.hpp"
#include "qgini/uncertainty.hpp"
#include "qgini/state_io.hpp"
#include "qgini/checks.hpp"
