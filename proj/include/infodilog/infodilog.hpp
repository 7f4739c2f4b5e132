#pragma once

// Umbrella header.

#include "infodilog/binary_entropy.hpp"
#include "infodilog/deformation.hpp"
#include "infodilog/diagram.hpp"
#include "infodilog/diagram_dsl.hpp"
#include "infodilog/dual_number.hpp"
#include "infodilog/entropy.hpp"
#include "infodilog/errors.hpp"
#include "infodilog/factorize.hpp"
#include "infodilog/random.hpp"
#include "infodilog/rational.hpp"
#include "infodilog/serialize.hpp"
#include "infodilog/suites.hpp"
#include "infodilog/symbol_algebra.hpp"
