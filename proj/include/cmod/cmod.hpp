#pragma once

#include "cmod/ascii.hpp"
#include "cmod/cmodule.hpp"
#include "cmod/correspondence.hpp"
#include "cmod/decompose.hpp"
#include "cmod/diagram.hpp"
#include "cmod/error.hpp"
#include "cmod/field.hpp"
#include "cmod/interleaving.hpp"
#include "cmod/json_io.hpp"
#include "cmod/levelset.hpp"
#include "cmod/rational.hpp"
#include "cmod/sections.hpp"
#include "cmod/slice2d.hpp"
