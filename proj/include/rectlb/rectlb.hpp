#pragma once

#include "rectlb/scalar.hpp"
#include "rectlb/instance.hpp"
#include "rectlb/dominance.hpp"
#include "rectlb/geometry.hpp"
#include "rectlb/weight_bounds.hpp"
#include "rectlb/opt_packer.hpp"
#include "rectlb/bound_calc.hpp"
#include "rectlb/adversary.hpp"
#include "rectlb/svg.hpp"
