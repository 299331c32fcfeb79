#pragma once

#include "swnfock/numeric.hpp"
#include "swnfock/testfn.hpp"
#include "swnfock/swnalg.hpp"
#include "swnfock/kernel.hpp"
#include "swnfock/approx.hpp"
#include "swnfock/expvec.hpp"
#include "swnfock/report.hpp"
