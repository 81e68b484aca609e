#pragma once

// Umbrella header for the groupoid toolkit.

#include "grpd/errors.hpp"
#include "grpd/groupoid.hpp"
#include "grpd/builders.hpp"
#include "grpd/textio.hpp"
#include "grpd/subgroupoid.hpp"
#include "grpd/normality.hpp"
#include "grpd/morphisms.hpp"
#include "grpd/center_commutator.hpp"
#include "grpd/inner.hpp"
#include "grpd/checks.hpp"
