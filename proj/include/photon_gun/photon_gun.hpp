// photon_gun.hpp - umbrella header

#pragma once

#include "photon_gun/emitter.hpp"
#include "photon_gun/error.hpp"
#include "photon_gun/io.hpp"
#include "photon_gun/kerr.hpp"
#include "photon_gun/numerics.hpp"
#include "photon_gun/spectra.hpp"
#include "photon_gun/stack.hpp"
#include "photon_gun/stirap.hpp"
