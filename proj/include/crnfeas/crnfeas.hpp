#pragma once

#include "crnfeas/dynamics.hpp"
#include "crnfeas/errors.hpp"
#include "crnfeas/exactla.hpp"
#include "crnfeas/feasibility.hpp"
#include "crnfeas/injectivity.hpp"
#include "crnfeas/matrix.hpp"
#include "crnfeas/network.hpp"
#include "crnfeas/parser.hpp"
#include "crnfeas/rational.hpp"
#include "crnfeas/report.hpp"
#include "crnfeas/signspace.hpp"
#include "crnfeas/simplex.hpp"
