#pragma once

namespace sumcode {

// Effective cap for an exhaustive enumeration. Each operation passes its own
// default; setting the environment variable SUMCODE_MAX_K replaces every such
// cap (callers raising it accept the exponential cost).
int max_exhaustive_k(int default_cap);

}
