#pragma once

#include "aglmu/designs.hpp"
#include "aglmu/error.hpp"
#include "aglmu/gf.hpp"
#include "aglmu/integer.hpp"
#include "aglmu/lattice.hpp"
#include "aglmu/mobius.hpp"
#include "aglmu/serialize.hpp"
#include "aglmu/subgroups.hpp"
#include "aglmu/submodules.hpp"
#include "aglmu/verify.hpp"
