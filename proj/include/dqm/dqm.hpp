#pragma once

#include "errors.hpp"
#include "specfun.hpp"
#include "eta_polynomial.hpp"
#include "family.hpp"
#include "fixtures.hpp"
#include "operators.hpp"
#include "quadrature.hpp"
#include "limits.hpp"
#include "verifier.hpp"
