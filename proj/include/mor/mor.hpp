#pragma once

#include "mor/attack.hpp"
#include "mor/automorphism.hpp"
#include "mor/bench.hpp"
#include "mor/errors.hpp"
#include "mor/field.hpp"
#include "mor/modmath.hpp"
#include "mor/protocol.hpp"
#include "mor/rng.hpp"
#include "mor/selftest.hpp"
#include "mor/serialize.hpp"
#include "mor/unitriangular.hpp"
