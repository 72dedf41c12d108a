#pragma once

#include "dcft/abgroup.hpp"
#include "dcft/cft.hpp"
#include "dcft/chain.hpp"
#include "dcft/derivedab.hpp"
#include "dcft/error.hpp"
#include "dcft/group.hpp"
#include "dcft/grouphomology.hpp"
#include "dcft/homology.hpp"
#include "dcft/integer.hpp"
#include "dcft/matrix.hpp"
#include "dcft/numberfield.hpp"
#include "dcft/random_complex.hpp"
#include "dcft/simplicial.hpp"
#include "dcft/smith.hpp"
