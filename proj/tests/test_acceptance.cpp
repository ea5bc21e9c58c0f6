#include <catch2/catch_amalgamated.hpp>
// placeholder until the module lands
