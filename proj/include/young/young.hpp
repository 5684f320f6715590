#pragma once

#include "young/partition.hpp"
#include "young/numerics.hpp"
#include "young/rng.hpp"
#include "young/dimension.hpp"
#include "young/parallel.hpp"
#include "young/sampling.hpp"
#include "young/enumeration.hpp"
#include "young/shape.hpp"
#include "young/table.hpp"
#include "young/selftest.hpp"
#include "young/commands.hpp"
