#pragma once

#include "bigint.hpp"
#include "certified.hpp"
#include "counts.hpp"
#include "error.hpp"
#include "exact.hpp"
#include "exp.hpp"
#include "interval.hpp"
#include "oracles.hpp"
#include "special.hpp"
#include "report.hpp"
#include "verify.hpp"
