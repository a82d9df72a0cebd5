#pragma once

#include "quatlin/dense.hpp"
#include "quatlin/eigen_engine.hpp"
#include "quatlin/embed.hpp"
#include "quatlin/errors.hpp"
#include "quatlin/funcalc.hpp"
#include "quatlin/linops.hpp"
#include "quatlin/odes.hpp"
#include "quatlin/qschrod.hpp"
#include "quatlin/quaternion.hpp"
#include "quatlin/spectra.hpp"
