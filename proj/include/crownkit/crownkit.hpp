#pragma once

#include "crownkit/errors.hpp"
#include "crownkit/linalg.hpp"
#include "crownkit/lie_model.hpp"
#include "crownkit/root_datum.hpp"
#include "crownkit/so_system.hpp"
#include "crownkit/crown_ops.hpp"
#include "crownkit/chart.hpp"
#include "crownkit/hk_structure.hpp"
#include "crownkit/verify.hpp"
#include "crownkit/report.hpp"
