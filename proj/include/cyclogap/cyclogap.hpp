#pragma once

#include "cyclogap/cyclotomic.hpp"
#include "cyclogap/dispatch.hpp"
#include "cyclogap/errors.hpp"
#include "cyclogap/gaps.hpp"
#include "cyclogap/number_theory.hpp"
#include "cyclogap/parallel.hpp"
#include "cyclogap/poly_io.hpp"
#include "cyclogap/sparse_poly.hpp"
#include "cyclogap/survey.hpp"
#include "cyclogap/theorems.hpp"
