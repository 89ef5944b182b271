#pragma once

#include "hbn/catalog.hpp"
#include "hbn/cli.hpp"
#include "hbn/errors.hpp"
#include "hbn/function_norms.hpp"
#include "hbn/geometry.hpp"
#include "hbn/hardy_estimator.hpp"
#include "hbn/identities.hpp"
#include "hbn/io.hpp"
#include "hbn/membership.hpp"
#include "hbn/oracles.hpp"
#include "hbn/philox.hpp"
#include "hbn/profile.hpp"
#include "hbn/quadrature.hpp"
#include "hbn/wos.hpp"
