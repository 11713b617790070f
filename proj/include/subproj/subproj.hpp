#pragma once

// Everything needed to build complexes and decide subprojectivity.
#include "subproj/ring.hpp"
#include "subproj/matrix.hpp"
#include "subproj/exact_linalg.hpp"
#include "subproj/module.hpp"
#include "subproj/complex.hpp"
#include "subproj/homotopy.hpp"
#include "subproj/subprojectivity.hpp"
#include "subproj/document.hpp"
