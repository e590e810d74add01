// Umbrella header for the Con-Cat runtime.
#pragma once

#include "concat/error.hpp"
#include "concat/kernel.hpp"
#include "concat/machine.hpp"
#include "concat/quiz.hpp"
#include "concat/reader.hpp"
#include "concat/session.hpp"
#include "concat/stdlib.hpp"
#include "concat/token.hpp"
#include "concat/trace.hpp"
#include "concat/value.hpp"
#include "concat/version.hpp"
