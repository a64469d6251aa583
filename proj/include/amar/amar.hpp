#pragma once

#include "amar/error.hpp"
#include "amar/rng.hpp"
#include "amar/timeseries_core.hpp"
#include "amar/simulator.hpp"
#include "amar/changepoint_not.hpp"
#include "amar/estimator.hpp"
#include "amar/forecaster.hpp"
#include "amar/amvar.hpp"
#include "amar/evalbench.hpp"
#include "amar/csv_io.hpp"
#include "amar/json_io.hpp"
