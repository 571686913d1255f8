#pragma once

#include "uct/binseq.hpp"
#include "uct/dyadic.hpp"
#include "uct/enclosure.hpp"
#include "uct/errors.hpp"
#include "uct/expr.hpp"
#include "uct/modulus.hpp"
#include "uct/realfun.hpp"
#include "uct/serialize.hpp"
#include "uct/trees.hpp"
#include "uct/witness.hpp"
