#pragma once

#include "orbitlab/io.hpp"
