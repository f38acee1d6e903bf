#pragma once

#include "catlab/errors.hpp"
#include "catlab/spin_space.hpp"
#include "catlab/linalg.hpp"
#include "catlab/operators.hpp"
#include "catlab/density.hpp"
#include "catlab/classical.hpp"
#include "catlab/dynamics.hpp"
#include "catlab/metrology.hpp"
#include "catlab/wigner.hpp"
#include "catlab/cat_qubit.hpp"
#include "catlab/parallel.hpp"
