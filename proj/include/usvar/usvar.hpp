#pragma once

// Umbrella header: variability mining over user-story families, the direct
// rule engine, the 4-step LLM pipeline with record/replay, and the
// evaluation reports.

#include "usvar/answer_parse.hpp"
#include "usvar/chat.hpp"
#include "usvar/closure.hpp"
#include "usvar/context.hpp"
#include "usvar/errors.hpp"
#include "usvar/evaluation.hpp"
#include "usvar/implication.hpp"
#include "usvar/implication_io.hpp"
#include "usvar/mining.hpp"
#include "usvar/prompt.hpp"
#include "usvar/session.hpp"
#include "usvar/transcript.hpp"
#include "usvar/user_story.hpp"
