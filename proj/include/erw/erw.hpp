#pragma once

#include "erw/families.hpp"
#include "erw/io.hpp"
#include "erw/moments.hpp"
#include "erw/montecarlo.hpp"
#include "erw/oracle.hpp"
#include "erw/polynomial.hpp"
#include "erw/rational.hpp"
#include "erw/rng.hpp"
#include "erw/verify.hpp"
#include "erw/walk.hpp"
