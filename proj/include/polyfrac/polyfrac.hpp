#pragma once

#include "polyfrac/content.hpp"
#include "polyfrac/fastmul.hpp"
#include "polyfrac/ffinversion.hpp"
#include "polyfrac/gcd.hpp"
#include "polyfrac/generate.hpp"
#include "polyfrac/matrix_json.hpp"
#include "polyfrac/oracle.hpp"
#include "polyfrac/poly_io.hpp"
#include "polyfrac/profile.hpp"
