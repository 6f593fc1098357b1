#pragma once

#include "nclc/algebra.hpp"
#include "nclc/connection.hpp"
#include "nclc/error.hpp"
#include "nclc/forms.hpp"
#include "nclc/lc_solver.hpp"
#include "nclc/lie.hpp"
#include "nclc/metric.hpp"
#include "nclc/parse.hpp"
#include "nclc/scalar.hpp"
