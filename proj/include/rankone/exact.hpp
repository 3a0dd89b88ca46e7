#pragma once

#include "rankone/exact/matrix.hpp"
#include "rankone/exact/polynomial.hpp"
#include "rankone/exact/rational.hpp"
