#pragma once

#include "revmono/bits.hpp"
#include "revmono/errors.hpp"
#include "revmono/io.hpp"
#include "revmono/lab.hpp"
#include "revmono/matching.hpp"
#include "revmono/mechanisms.hpp"
#include "revmono/myerson.hpp"
#include "revmono/oracles.hpp"
#include "revmono/prob.hpp"
#include "revmono/rational.hpp"
#include "revmono/rng.hpp"
#include "revmono/simplex.hpp"
#include "revmono/valuation.hpp"
#include "revmono/vdominance.hpp"
#include "revmono/version.hpp"
