#pragma once

#include "boundq/exactla/matrix.hpp"
#include "boundq/exactla/polynomial.hpp"
#include "boundq/exactla/scalar.hpp"
#include "boundq/exactla/smith.hpp"
