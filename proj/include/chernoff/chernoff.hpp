#pragma once

#include "chernoff/circle/asymptotics.hpp"
#include "chernoff/circle/ck_norm.hpp"
#include "chernoff/circle/drift.hpp"
#include "chernoff/circle/fft.hpp"
#include "chernoff/circle/generator.hpp"
#include "chernoff/circle/grid.hpp"
#include "chernoff/circle/kernel.hpp"
#include "chernoff/circle/projection.hpp"
#include "chernoff/circle/spectral_reference.hpp"
#include "chernoff/errors.hpp"
#include "chernoff/evolution.hpp"
#include "chernoff/matrix/exp.hpp"
#include "chernoff/matrix/family.hpp"
#include "chernoff/matrix/oracle.hpp"
#include "chernoff/matrix/propagator.hpp"
#include "chernoff/mc/feynman_kac.hpp"
#include "chernoff/parallel.hpp"
#include "chernoff/partition.hpp"
#include "chernoff/philox.hpp"
#include "chernoff/rate.hpp"
#include "chernoff/run/config.hpp"
#include "chernoff/run/emit.hpp"
#include "chernoff/run/experiments.hpp"
#include "chernoff/state.hpp"
#include "chernoff/version.hpp"
