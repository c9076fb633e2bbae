#pragma once

// Umbrella header.

#include "icckit/error.hpp"
#include "icckit/words.hpp"
#include "icckit/zlinalg.hpp"
#include "icckit/finite_group.hpp"
#include "icckit/descriptor.hpp"
#include "icckit/extensions.hpp"
#include "icckit/families.hpp"
#include "icckit/oracle.hpp"
#include "icckit/spec_io.hpp"
