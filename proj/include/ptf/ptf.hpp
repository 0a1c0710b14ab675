#pragma once

#include "ptf/boolean_function.hpp"
#include "ptf/certificates.hpp"
#include "ptf/combinatorics.hpp"
#include "ptf/constructions.hpp"
#include "ptf/exact_lp.hpp"
#include "ptf/status_table.hpp"
#include "ptf/hsf_search.hpp"
#include "ptf/polynomial.hpp"
#include "ptf/report.hpp"
#include "ptf/symmetry.hpp"
