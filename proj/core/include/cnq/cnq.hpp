#pragma once

#include "cnq/circuit.hpp"
#include "cnq/error.hpp"
#include "cnq/expr.hpp"
#include "cnq/optimize.hpp"
#include "cnq/oracle.hpp"
#include "cnq/symbolic.hpp"
