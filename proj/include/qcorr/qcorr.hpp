// qcorr.hpp
// Umbrella header.

#pragma once

#include "qcorr/channel.hpp"
#include "qcorr/complex_matrix.hpp"
#include "qcorr/correlations.hpp"
#include "qcorr/io.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/random.hpp"
#include "qcorr/states.hpp"
#include "qcorr/sweep.hpp"
#include "qcorr/tomography.hpp"
