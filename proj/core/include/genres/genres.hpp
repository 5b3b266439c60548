#pragma once

#include "genres/criteria.hpp"
#include "genres/errors.hpp"
#include "genres/geninv.hpp"
#include "genres/numerics.hpp"
#include "genres/perturbation.hpp"
#include "genres/resolvent.hpp"
#include "genres/version.hpp"
