#pragma once

#include "refaudit/baseline.hpp"
#include "refaudit/call_match.hpp"
#include "refaudit/corpus_model.hpp"
#include "refaudit/dates.hpp"
#include "refaudit/error.hpp"
#include "refaudit/fss_engine.hpp"
#include "refaudit/register_audit.hpp"
#include "refaudit/report.hpp"
