#pragma once

#include "osculata/error.hpp"
#include "osculata/rational.hpp"
#include "osculata/multi_index.hpp"
#include "osculata/multi_poly.hpp"
#include "osculata/linalg.hpp"
#include "osculata/sampling.hpp"
#include "osculata/variety.hpp"
#include "osculata/jets.hpp"
#include "osculata/forms.hpp"
#include "osculata/invariants.hpp"
#include "osculata/report.hpp"
#include "osculata/audit.hpp"
#include "osculata/version.hpp"
