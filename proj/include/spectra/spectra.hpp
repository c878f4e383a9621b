#pragma once

#include "spectra/numerics.hpp"
#include "spectra/curve.hpp"
#include "spectra/spectrum.hpp"
#include "spectra/distribution.hpp"
#include "spectra/dominating.hpp"
#include "spectra/asymptotics.hpp"
#include "spectra/io.hpp"
