#pragma once

#include "quatmod/rational.hpp"
#include "quatmod/quadfield.hpp"
#include "quatmod/quaternion.hpp"
#include "quatmod/linalg.hpp"
#include "quatmod/order.hpp"
#include "quatmod/torsion.hpp"
#include "quatmod/matrix2.hpp"
#include "quatmod/generators.hpp"
#include "quatmod/hurwitz.hpp"
#include "quatmod/cusp_bundle.hpp"
