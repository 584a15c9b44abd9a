#pragma once

#include "algebra.hpp"
#include "birmap.hpp"
#include "classify.hpp"
#include "errors.hpp"
#include "flow.hpp"
#include "odesolve.hpp"
#include "parser.hpp"
#include "plot.hpp"
#include "report.hpp"
#include "series.hpp"
#include "zoo.hpp"
