#ifndef SEMIBJ_SEMIBJ_HPP
#define SEMIBJ_SEMIBJ_HPP

// Umbrella header: the whole library in one include.

#include "semibj/a_operator.hpp"
#include "semibj/distance.hpp"
#include "semibj/eig.hpp"
#include "semibj/errors.hpp"
#include "semibj/generate.hpp"
#include "semibj/io_json.hpp"
#include "semibj/matrix.hpp"
#include "semibj/orthogonality.hpp"
#include "semibj/parallel.hpp"
#include "semibj/rng.hpp"
#include "semibj/space.hpp"
#include "semibj/svd.hpp"
#include "semibj/verify.hpp"

#endif
