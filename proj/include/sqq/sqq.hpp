#ifndef SQQ_SQQ_HPP
#define SQQ_SQQ_HPP

#include "sqq/backtrack.hpp"
#include "sqq/carlitz.hpp"
#include "sqq/checkpoint.hpp"
#include "sqq/curves.hpp"
#include "sqq/error.hpp"
#include "sqq/ext_field.hpp"
#include "sqq/ffield.hpp"
#include "sqq/gauss.hpp"
#include "sqq/paley.hpp"
#include "sqq/rational.hpp"
#include "sqq/report.hpp"
#include "sqq/search.hpp"

#endif  // SQQ_SQQ_HPP
