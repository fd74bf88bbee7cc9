#pragma once

#include "mrlab/codes.hpp"
#include "mrlab/constructions.hpp"
#include "mrlab/field.hpp"
#include "mrlab/hmds.hpp"
#include "mrlab/io.hpp"
#include "mrlab/linalg.hpp"
#include "mrlab/regularity.hpp"
#include "mrlab/tensor.hpp"
