#pragma once

#include "rainbow/error.hpp"
#include "rainbow/linalg.hpp"
#include "rainbow/monomial.hpp"
#include "rainbow/term_order.hpp"
#include "rainbow/packed.hpp"
#include "rainbow/ideal.hpp"
#include "rainbow/complex.hpp"
#include "rainbow/betti.hpp"
#include "rainbow/hilbert.hpp"
#include "rainbow/determinantal.hpp"
#include "rainbow/sparse_en.hpp"
#include "rainbow/face_poset.hpp"
#include "rainbow/strand_restriction.hpp"
#include "rainbow/polarization.hpp"
#include "rainbow/manifest.hpp"
