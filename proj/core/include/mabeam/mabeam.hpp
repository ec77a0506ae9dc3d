// SPDX-License-Identifier: Apache-2.0

#ifndef MABEAM_MABEAM_HPP
#define MABEAM_MABEAM_HPP

#include "mabeam/array.hpp"
#include "mabeam/error.hpp"
#include "mabeam/factorization.hpp"
#include "mabeam/fpa.hpp"
#include "mabeam/oracle.hpp"
#include "mabeam/synthesis.hpp"
#include "mabeam/weights.hpp"

#endif  // MABEAM_MABEAM_HPP
