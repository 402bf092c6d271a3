#pragma once

// Umbrella header.

#include "dcenter/bands.hpp"
#include "dcenter/center.hpp"
#include "dcenter/cochain.hpp"
#include "dcenter/dixon.hpp"
#include "dcenter/error.hpp"
#include "dcenter/group.hpp"
#include "dcenter/io.hpp"
#include "dcenter/modular.hpp"
#include "dcenter/smith.hpp"
#include "dcenter/twisted.hpp"
