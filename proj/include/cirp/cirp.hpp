#pragma once

#include "cirp/instance.hpp"
#include "cirp/instance_io.hpp"
#include "cirp/network.hpp"
#include "cirp/milp.hpp"
#include "cirp/highs_backend.hpp"
#include "cirp/model.hpp"
#include "cirp/separation.hpp"
#include "cirp/solution.hpp"
#include "cirp/solver.hpp"
#include "cirp/validator.hpp"
#include "cirp/generator.hpp"
#include "cirp/bench.hpp"
