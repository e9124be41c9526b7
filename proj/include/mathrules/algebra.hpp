#pragma once

#include "mathrules/algebra/collect.hpp"
#include "mathrules/algebra/equation_ops.hpp"
#include "mathrules/algebra/equiv.hpp"
#include "mathrules/algebra/expand.hpp"
#include "mathrules/algebra/gauss.hpp"
#include "mathrules/algebra/monomial.hpp"
#include "mathrules/algebra/rewrite.hpp"
#include "mathrules/algebra/solve.hpp"
