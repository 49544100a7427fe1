#pragma once

#include "xsc/channels.hpp"
#include "xsc/correlations.hpp"
#include "xsc/csv.hpp"
#include "xsc/errors.hpp"
#include "xsc/matrix.hpp"
#include "xsc/nonmarkov.hpp"
#include "xsc/pointer.hpp"
#include "xsc/trajectory.hpp"
#include "xsc/verify.hpp"
#include "xsc/xstate.hpp"
