#pragma once

#include "binom/bench.hpp"
#include "binom/bigfloat.hpp"
#include "binom/bigint.hpp"
#include "binom/certify.hpp"
#include "binom/decimal.hpp"
#include "binom/diagonal.hpp"
#include "binom/ensemble.hpp"
#include "binom/error.hpp"
#include "binom/exponent_matrix.hpp"
#include "binom/json_io.hpp"
#include "binom/logsign.hpp"
#include "binom/matrix.hpp"
#include "binom/monomial.hpp"
#include "binom/op_counter.hpp"
#include "binom/oracle.hpp"
#include "binom/precision.hpp"
#include "binom/prob/distributions.hpp"
#include "binom/prob/experiments.hpp"
#include "binom/prob/moments.hpp"
#include "binom/prob/report.hpp"
#include "binom/rng.hpp"
#include "binom/smith.hpp"
#include "binom/solver.hpp"
#include "binom/system.hpp"
