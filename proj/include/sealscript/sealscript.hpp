#pragma once

#include "sealscript/corpus.hpp"
#include "sealscript/economy.hpp"
#include "sealscript/grammar.hpp"
#include "sealscript/report.hpp"
#include "sealscript/stats.hpp"
