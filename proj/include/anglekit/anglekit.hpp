#pragma once

#include "anglekit/angle.hpp"
#include "anglekit/errors.hpp"
#include "anglekit/exact_scalar.hpp"
#include "anglekit/geometry.hpp"
#include "anglekit/lint.hpp"
#include "anglekit/textio.hpp"
#include "anglekit/trig.hpp"
