#pragma once

#include "trient/linalg.hpp"
#include "trient/states.hpp"
#include "trient/measures.hpp"
#include "trient/classify.hpp"
#include "trient/mixtures.hpp"
#include "trient/io.hpp"
