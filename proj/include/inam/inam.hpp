#ifndef INAM_INAM_HPP_
#define INAM_INAM_HPP_

#include "catalog.hpp"
#include "classify.hpp"
#include "cube_complex.hpp"
#include "location.hpp"
#include "lp.hpp"
#include "means.hpp"
#include "spec_json.hpp"
#include "tree.hpp"
#include "verify.hpp"

#endif  // INAM_INAM_HPP_
