#pragma once

#include "heffter/catalog.hpp"
#include "heffter/certificate.hpp"
#include "heffter/construct.hpp"
#include "heffter/cycles.hpp"
#include "heffter/designs.hpp"
#include "heffter/error.hpp"
#include "heffter/field.hpp"
#include "heffter/group.hpp"
#include "heffter/halfset.hpp"
#include "heffter/number_theory.hpp"
#include "heffter/packing.hpp"
#include "heffter/parallel.hpp"
#include "heffter/search.hpp"
#include "heffter/sts.hpp"
