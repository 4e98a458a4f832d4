//
// kronkit -- umbrella header
//

#ifndef KRONKIT_KRONKIT_HPP
#define KRONKIT_KRONKIT_HPP

#include "kronkit/core.hpp"
#include "kronkit/eig.hpp"
#include "kronkit/factor.hpp"
#include "kronkit/io.hpp"
#include "kronkit/kronsqrt.hpp"
#include "kronkit/structure.hpp"

#endif  // KRONKIT_KRONKIT_HPP
