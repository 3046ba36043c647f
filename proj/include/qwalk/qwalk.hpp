#pragma once

#include "qwalk/asymptotics.hpp"
#include "qwalk/classical_walk.hpp"
#include "qwalk/closed_form.hpp"
#include "qwalk/coin.hpp"
#include "qwalk/config.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/experiments.hpp"
#include "qwalk/quantum_walk.hpp"
#include "qwalk/special_functions.hpp"
