#ifndef ADAFW_ADAFW_HPP
#define ADAFW_ADAFW_HPP

#include "adafw/adaptive_metric.hpp"
#include "adafw/data.hpp"
#include "adafw/estimators.hpp"
#include "adafw/experiment.hpp"
#include "adafw/feasible_set.hpp"
#include "adafw/objectives.hpp"
#include "adafw/optimizers.hpp"
#include "adafw/schedules.hpp"
#include "adafw/subproblem.hpp"

#endif  // ADAFW_ADAFW_HPP
