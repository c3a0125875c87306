#pragma once

#include "addcomb/ap.hpp"
#include "addcomb/coset.hpp"
#include "addcomb/covering.hpp"
#include "addcomb/engine.hpp"
#include "addcomb/error.hpp"
#include "addcomb/exact.hpp"
#include "addcomb/freiman.hpp"
#include "addcomb/int_set.hpp"
#include "addcomb/literal.hpp"
#include "addcomb/number_theory.hpp"
#include "addcomb/residue_set.hpp"
#include "addcomb/search.hpp"
#include "addcomb/serialize.hpp"
#include "addcomb/spectral.hpp"
#include "addcomb/version.hpp"
