#ifndef GRANULAR_GRANULAR_HPP
#define GRANULAR_GRANULAR_HPP

#include "granular/angle.hpp"
#include "granular/bigint.hpp"
#include "granular/cascade.hpp"
#include "granular/dyadic.hpp"
#include "granular/epr.hpp"
#include "granular/errors.hpp"
#include "granular/lorenz.hpp"
#include "granular/niven.hpp"
#include "granular/quaternions.hpp"
#include "granular/roots.hpp"
#include "granular/sequence.hpp"
#include "granular/signed_permutation.hpp"
#include "granular/superpose.hpp"
#include "granular/version.hpp"

#endif // GRANULAR_GRANULAR_HPP
