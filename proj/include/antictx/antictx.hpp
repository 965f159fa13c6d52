#pragma once

#include "antictx/antidist.hpp"
#include "antictx/antiset.hpp"
#include "antictx/cliques.hpp"
#include "antictx/ensembles.hpp"
#include "antictx/errors.hpp"
#include "antictx/quantum.hpp"
#include "antictx/ratlp.hpp"
#include "antictx/rational.hpp"
#include "antictx/scenario.hpp"
#include "antictx/valuefns.hpp"
