// Umbrella header.
#pragma once

#include "minact/abelian_group.hpp"
#include "minact/action.hpp"
#include "minact/circle.hpp"
#include "minact/covering.hpp"
#include "minact/dynamics.hpp"
#include "minact/int_matrix.hpp"
#include "minact/pl_map.hpp"
#include "minact/subgroups.hpp"
