#pragma once

#include "dspwb/audio.hpp"
#include "dspwb/biosignal.hpp"
#include "dspwb/dft_properties.hpp"
#include "dspwb/eeg.hpp"
#include "dspwb/error.hpp"
#include "dspwb/filters.hpp"
#include "dspwb/io.hpp"
#include "dspwb/signal.hpp"
#include "dspwb/spectral_algebra.hpp"
#include "dspwb/transform.hpp"
