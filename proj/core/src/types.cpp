#include "lusin/types.hpp"

// Header-only vocabulary types; this TU anchors the target.
