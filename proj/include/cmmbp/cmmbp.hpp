#pragma once

#include "cmmbp/certificate.hpp"
#include "cmmbp/cli.hpp"
#include "cmmbp/errors.hpp"
#include "cmmbp/graph.hpp"
#include "cmmbp/instance_io.hpp"
#include "cmmbp/lp_format.hpp"
#include "cmmbp/model.hpp"
#include "cmmbp/solve.hpp"
