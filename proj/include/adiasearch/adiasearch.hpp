#pragma once

#include "adiasearch/baseline.hpp"
#include "adiasearch/dynamics.hpp"
#include "adiasearch/errors.hpp"
#include "adiasearch/model.hpp"
#include "adiasearch/reproduce.hpp"
#include "adiasearch/schedule.hpp"
#include "adiasearch/spectral.hpp"
#include "adiasearch/sweep.hpp"
#include "adiasearch/verify.hpp"
