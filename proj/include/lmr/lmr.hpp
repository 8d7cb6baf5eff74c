#pragma once

#include "lmr/check.hpp"
#include "lmr/derivation.hpp"
#include "lmr/enumerate.hpp"
#include "lmr/invariance.hpp"
#include "lmr/oop.hpp"
#include "lmr/parse.hpp"
#include "lmr/reduce.hpp"
#include "lmr/stdlib.hpp"
#include "lmr/subtype.hpp"
#include "lmr/term.hpp"
#include "lmr/type.hpp"
