#pragma once

#include "shiftres/autocorrelation.hpp"
#include "shiftres/config.hpp"
#include "shiftres/errors.hpp"
#include "shiftres/harness.hpp"
#include "shiftres/integrate.hpp"
#include "shiftres/io.hpp"
#include "shiftres/readout.hpp"
#include "shiftres/reservoir.hpp"
#include "shiftres/rng.hpp"
#include "shiftres/systems.hpp"
#include "shiftres/task.hpp"
#include "shiftres/time_series.hpp"
#include "shiftres/timeshift.hpp"
