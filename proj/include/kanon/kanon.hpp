#pragma once

#include "kanon/anonymity.hpp"
#include "kanon/anonymize.hpp"
#include "kanon/approx_kl.hpp"
#include "kanon/errors.hpp"
#include "kanon/exact21.hpp"
#include "kanon/graph.hpp"
#include "kanon/greedy_k1.hpp"
#include "kanon/hardgen.hpp"
#include "kanon/io.hpp"
#include "kanon/matching.hpp"
#include "kanon/oracle.hpp"
#include "kanon/plan.hpp"
#include "kanon/rng.hpp"
