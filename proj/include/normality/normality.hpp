#pragma once

#include "normality/combinatorics.hpp"
#include "normality/exact_rational.hpp"
#include "normality/lemma.hpp"
#include "normality/measure.hpp"
#include "normality/paper_checks.hpp"
#include "normality/radix.hpp"
#include "normality/report.hpp"
#include "normality/sources.hpp"
#include "normality/stats.hpp"
