#pragma once

#include "eigenpath/types.hpp"
#include "eigenpath/linalg.hpp"
#include "eigenpath/geometry.hpp"
#include "eigenpath/condition.hpp"
#include "eigenpath/newton.hpp"
#include "eigenpath/path.hpp"
#include "eigenpath/tracker.hpp"
#include "eigenpath/random.hpp"
