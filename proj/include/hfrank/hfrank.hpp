#pragma once

#include "bitmatrix.hpp"
#include "complexes.hpp"
#include "errors.hpp"
#include "f2linalg.hpp"
#include "model.hpp"
#include "parse.hpp"
#include "rational.hpp"
#include "report.hpp"
#include "surgery.hpp"
#include "verify.hpp"
