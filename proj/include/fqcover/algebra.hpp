#pragma once

#include "fqcover/crt.hpp"
#include "fqcover/error.hpp"
#include "fqcover/factor.hpp"
#include "fqcover/field.hpp"
#include "fqcover/poly.hpp"
#include "fqcover/rational.hpp"
