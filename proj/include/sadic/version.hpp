#pragma once

#define SADIC_VERSION "0.1.0"
