#pragma once

#include "qprop/cli.hpp"
#include "qprop/diagnostics.hpp"
#include "qprop/eom.hpp"
#include "qprop/errors.hpp"
#include "qprop/grid_io.hpp"
#include "qprop/model.hpp"
#include "qprop/oracle.hpp"
#include "qprop/ordering.hpp"
#include "qprop/phasegrid.hpp"
#include "qprop/states.hpp"
#include "qprop/weinorman.hpp"
